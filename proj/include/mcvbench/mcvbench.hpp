// Copyright 2026 The mcvbench Authors. All Rights Reserved.
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

#ifndef MCVBENCH_MCVBENCH_HPP
#define MCVBENCH_MCVBENCH_HPP

#include "mcvbench/condition_grid.hpp"
#include "mcvbench/corpus_builder.hpp"
#include "mcvbench/errors.hpp"
#include "mcvbench/image.hpp"
#include "mcvbench/manifest.hpp"
#include "mcvbench/metrics.hpp"
#include "mcvbench/perturb.hpp"
#include "mcvbench/png_io.hpp"
#include "mcvbench/random_stream.hpp"
#include "mcvbench/report.hpp"
#include "mcvbench/results_io.hpp"
#include "mcvbench/sha256.hpp"

#endif  // MCVBENCH_MCVBENCH_HPP
