// Copyright 2026 The ecbm Authors
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

#ifndef ECBM_ECBM_HPP_
#define ECBM_ECBM_HPP_

#include "ecbm/analysis.hpp"
#include "ecbm/assignment.hpp"
#include "ecbm/cbm.hpp"
#include "ecbm/corpus.hpp"
#include "ecbm/error.hpp"
#include "ecbm/infometrics.hpp"
#include "ecbm/parallel.hpp"
#include "ecbm/pipeline.hpp"
#include "ecbm/random.hpp"
#include "ecbm/report.hpp"
#include "ecbm/senders.hpp"
#include "ecbm/topsim.hpp"
#include "ecbm/world.hpp"

#endif  // ECBM_ECBM_HPP_
