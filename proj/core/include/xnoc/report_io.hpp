// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "xnoc/engine.hpp"

namespace xnoc {

/// Shortest decimal text that reads back to exactly `value`.
std::string format_double(double value);

struct Normalization {
  double baseline_mean_latency = 0.0;
  double baseline_dynamic_energy = 0.0;
};

void write_windows_csv(std::ostream& os, const RunReport& report);
void write_run_json(std::ostream& os, const RunReport& report,
                    const std::optional<Normalization>& normalization = std::nullopt);
void write_comparison_csv(std::ostream& os, const Comparison& comparison);
void write_comparison_json(std::ostream& os, const Comparison& comparison);

/// windows.csv, progression.csv and run.json under `dir`.
void write_run_outputs(const std::filesystem::path& dir, const RunReport& report,
                       const std::optional<Normalization>& normalization = std::nullopt);

/// compare.csv and compare.json, plus one run directory per config.
void write_comparison_outputs(const std::filesystem::path& dir, const Comparison& comparison);

}  // namespace xnoc
