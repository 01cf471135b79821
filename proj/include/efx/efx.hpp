// Copyright 2026 The efxgraph Authors
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

#include "efx/rational.hpp"
#include "efx/errors.hpp"
#include "efx/instance.hpp"
#include "efx/structure.hpp"
#include "efx/fairness.hpp"
#include "efx/cut.hpp"
#include "efx/derived_sets.hpp"
#include "efx/pipeline.hpp"
#include "efx/special.hpp"
#include "efx/oracle.hpp"
#include "efx/forge.hpp"
#include "efx/io.hpp"
