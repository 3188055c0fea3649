// Copyright 2026 The ladder-nonlocality Authors
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

#include <iostream>

#include "ladder/cli.hpp"

int main(int argc, char** argv) {
  const auto parsed = ladder::cli::parse_args(argc, argv);
  if (!parsed.config) {
    if (parsed.exit_code == ladder::cli::kExitOk) {
      std::cout << parsed.message;
    } else {
      std::cerr << parsed.message << '\n';
    }
    return parsed.exit_code;
  }
  return ladder::cli::execute(*parsed.config, std::cout, std::cerr);
}
