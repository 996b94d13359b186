// Copyright 2026 The disrisk Authors
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

#include "disrisk/asymptotic.hpp"
#include "disrisk/discretize.hpp"
#include "disrisk/distributions.hpp"
#include "disrisk/divergence.hpp"
#include "disrisk/errors.hpp"
#include "disrisk/extreal.hpp"
#include "disrisk/montecarlo.hpp"
#include "disrisk/oracle.hpp"
#include "disrisk/presets.hpp"
#include "disrisk/rational.hpp"
