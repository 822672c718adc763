// Copyright 2026 The dchan Authors
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

#include "dchan/annihilators.hpp"
#include "dchan/channel.hpp"
#include "dchan/classify.hpp"
#include "dchan/cq.hpp"
#include "dchan/discord.hpp"
#include "dchan/hermitian_basis.hpp"
#include "dchan/io.hpp"
#include "dchan/linalg.hpp"
#include "dchan/random.hpp"
#include "dchan/state.hpp"
#include "dchan/structures.hpp"
#include "dchan/types.hpp"
