// SPDX-FileCopyrightText: Copyright (c) 2026 The molfp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "molfp/batch.hpp"
#include "molfp/canonical.hpp"
#include "molfp/circular.hpp"
#include "molfp/descriptors.hpp"
#include "molfp/element.hpp"
#include "molfp/engine.hpp"
#include "molfp/error.hpp"
#include "molfp/fingerprint.hpp"
#include "molfp/hash.hpp"
#include "molfp/key_set.hpp"
#include "molfp/match.hpp"
#include "molfp/matrix.hpp"
#include "molfp/matrix_io.hpp"
#include "molfp/molecule.hpp"
#include "molfp/rings.hpp"
#include "molfp/similarity.hpp"
#include "molfp/smarts.hpp"
#include "molfp/smiles.hpp"
#include "molfp/substructure.hpp"
#include "molfp/synthetic.hpp"
#include "molfp/topological.hpp"
