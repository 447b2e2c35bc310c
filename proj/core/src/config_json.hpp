// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <json.hpp>

#include "xnoc/config.hpp"

namespace xnoc::detail {

nlohmann::json config_json(const SimConfig& config);

}  // namespace xnoc::detail
