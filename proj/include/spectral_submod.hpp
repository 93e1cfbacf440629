// Copyright 2026 The Authors.
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

#pragma once

#include "spectral_submod/matrix.hpp"
#include "spectral_submod/index_set.hpp"
#include "spectral_submod/extended_real.hpp"
#include "spectral_submod/spectral_function.hpp"
#include "spectral_submod/hermitian.hpp"
#include "spectral_submod/set_functions.hpp"
#include "spectral_submod/mmatrix.hpp"
#include "spectral_submod/subspace.hpp"
#include "spectral_submod/cur.hpp"
#include "spectral_submod/random.hpp"
#include "spectral_submod/verification.hpp"
