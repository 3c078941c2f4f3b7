// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#include "chromafix/color.hpp"

#include <stdexcept>

namespace chromafix {

void ChartCorrespondence::validate() const {
    if (source.empty())
        throw std::invalid_argument("correspondence: needs at least one color pair");
    if (source.size() != target.size())
        throw std::invalid_argument("correspondence: source/target length mismatch");
    for (const auto& list : {&source, &target}) {
        for (const RgbF& c : *list) {
            if (!c.allFinite())
                throw std::invalid_argument("correspondence: non-finite color");
        }
    }
}

}  // namespace chromafix
