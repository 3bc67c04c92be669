// Copyright 2026 The qapcg Authors
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

#include "qapcg/algebra.hpp"
#include "qapcg/analysis.hpp"
#include "qapcg/bits.hpp"
#include "qapcg/circuit.hpp"
#include "qapcg/dpf.hpp"
#include "qapcg/errors.hpp"
#include "qapcg/field.hpp"
#include "qapcg/gmw.hpp"
#include "qapcg/group.hpp"
#include "qapcg/noise.hpp"
#include "qapcg/pcg.hpp"
#include "qapcg/prg.hpp"
#include "qapcg/triples.hpp"
