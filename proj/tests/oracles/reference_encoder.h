// Copyright 2026 The milpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MILPSIM_TESTS_ORACLES_REFERENCE_ENCODER_H_
#define MILPSIM_TESTS_ORACLES_REFERENCE_ENCODER_H_

#include <vector>

#include "milpsim/encoder.h"
#include "milpsim/featurize.h"

namespace milpsim::oracle {

// Plain-loop forward pass written from the layer equations, reading
// parameters only through the flat vector layout.
std::vector<double> ReferenceEmbed(const EncoderModel& model, const BipartiteGraph& graph);

}  // namespace milpsim::oracle

#endif  // MILPSIM_TESTS_ORACLES_REFERENCE_ENCODER_H_
