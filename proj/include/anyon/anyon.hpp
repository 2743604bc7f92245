// Copyright 2026 The Anyonic Interferometry Authors
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

#include "anyon/consistency.hpp"
#include "anyon/error.hpp"
#include "anyon/gates.hpp"
#include "anyon/interferometer.hpp"
#include "anyon/ising.hpp"
#include "anyon/linalg.hpp"
#include "anyon/model.hpp"
#include "anyon/model_io.hpp"
#include "anyon/rng.hpp"
#include "anyon/surgery.hpp"
