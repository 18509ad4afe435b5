// Copyright 2026 The fockmzi Authors
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

#include "fockmzi/detection.hpp"
#include "fockmzi/error.hpp"
#include "fockmzi/family.hpp"
#include "fockmzi/fock_space.hpp"
#include "fockmzi/legendre.hpp"
#include "fockmzi/metrology.hpp"
#include "fockmzi/optical_elements.hpp"
#include "fockmzi/state_factory.hpp"
#include "fockmzi/verify.hpp"
