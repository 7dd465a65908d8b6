// SPDX-License-Identifier: Apache-2.0
//
// nfsim: near-field XL-MIMO channel simulation and beam training toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NFSIM_NFSIM_HPP
#define NFSIM_NFSIM_HPP

#include "geometry.hpp"
#include "rng.hpp"
#include "steering.hpp"
#include "channel.hpp"
#include "stochastic.hpp"
#include "codebook.hpp"
#include "training.hpp"
#include "experiments.hpp"
#include "csv.hpp"
#include "config.hpp"

#endif
