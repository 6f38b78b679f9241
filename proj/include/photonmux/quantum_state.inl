// Copyright 2026 The photonmux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>

#include "photonmux/error.h"

namespace photonmux {

template <typename Fn>
StateVector relabel_modes(const StateVector &state, Fn &&fn) {
    StateBuilder builder;
    for (const auto &[basis, amp] : state.terms()) {
        std::vector<Occupation> mapped;
        mapped.reserve(basis.occupations().size());
        for (const auto &occ : basis.occupations()) {
            mapped.push_back({fn(occ.mode), occ.count});
        }
        std::sort(mapped.begin(), mapped.end());
        for (std::size_t k = 1; k < mapped.size(); ++k) {
            if (mapped[k].mode == mapped[k - 1].mode) {
                throw ModelError("relabeling merges occupied mode " + mapped[k].mode.str());
            }
        }
        builder.add(BasisState::from_occupations(std::move(mapped)), amp);
    }
    return builder.build();
}

}  // namespace photonmux
