// SPDX-License-Identifier: Apache-2.0
//
// urbanprop: geometry map-based radio propagation modelling for urban scenarios
// Copyright (C) 2026 The urbanprop authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef URBANPROP_TESTS_FIXTURES_HPP
#define URBANPROP_TESTS_FIXTURES_HPP

#include <filesystem>
#include <string>

#include "urbanprop/scenario.hpp"

namespace fixture
{
    inline std::filesystem::path data_dir() { return URBANPROP_DATA_DIR; }

    inline std::filesystem::path config_path(const std::string &name) { return data_dir() / name / "config.json"; }

    inline urbanprop::Scenario load(const std::string &name)
    {
        return urbanprop::load_scenario(urbanprop::load_config(config_path(name)));
    }
}

#endif
