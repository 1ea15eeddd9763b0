/*
 * Copyright 2026 The restricted-range Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "rr/config.hpp"
#include "rr/linalg.hpp"
#include "rr/random.hpp"
#include "rr/parallel.hpp"
#include "rr/planar.hpp"
#include "rr/ranges.hpp"
#include "rr/product.hpp"
#include "rr/kentangled.hpp"
#include "rr/families.hpp"
#include "rr/channels.hpp"
#include "rr/lp.hpp"
#include "rr/apps.hpp"
#include "rr/io.hpp"
