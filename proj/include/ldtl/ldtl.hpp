// Copyright 2026 LDTL Lab Contributors
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

#include "ldtl/benchmark.hpp"
#include "ldtl/diagnoser.hpp"
#include "ldtl/episode.hpp"
#include "ldtl/error.hpp"
#include "ldtl/eval.hpp"
#include "ldtl/io.hpp"
#include "ldtl/planner.hpp"
#include "ldtl/presets.hpp"
#include "ldtl/rng.hpp"
#include "ldtl/trajectory.hpp"
#include "ldtl/world.hpp"
