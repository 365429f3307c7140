// Copyright 2026 The clusterdyn Authors
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

#ifndef CLUSTERDYN_CLUSTERDYN_HPP
#define CLUSTERDYN_CLUSTERDYN_HPP

#include "clusterdyn/dynamics.hpp"
#include "clusterdyn/eom.hpp"
#include "clusterdyn/faulttol.hpp"
#include "clusterdyn/lattice.hpp"
#include "clusterdyn/mbqc.hpp"
#include "clusterdyn/pauli.hpp"
#include "clusterdyn/state.hpp"

#endif  // CLUSTERDYN_CLUSTERDYN_HPP
