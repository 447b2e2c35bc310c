// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include "xnoc/errors.hpp"

#include "xnoc/types.hpp"

namespace xnoc {

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string_view to_string(Port p) {
  switch (p) {
    case Port::North: return "north";
    case Port::South: return "south";
    case Port::East: return "east";
    case Port::West: return "west";
    case Port::Local: return "local";
    case Port::Optical: return "optical";
    case Port::Reconfig: return "reconfig";
  }
  return "?";
}

}  // namespace xnoc
