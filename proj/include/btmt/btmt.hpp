//
// Copyright 2026 The btmt Authors
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
//

#ifndef BTMT_BTMT_HPP_
#define BTMT_BTMT_HPP_

#include "btmt/assemble.hpp"
#include "btmt/backtranslate.hpp"
#include "btmt/comet.hpp"
#include "btmt/config.hpp"
#include "btmt/corpus.hpp"
#include "btmt/document.hpp"
#include "btmt/error.hpp"
#include "btmt/filters.hpp"
#include "btmt/manifest.hpp"
#include "btmt/metrics.hpp"
#include "btmt/segmenter.hpp"
#include "btmt/shuffle.hpp"
#include "btmt/unicode.hpp"

#endif  // BTMT_BTMT_HPP_
