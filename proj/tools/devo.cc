// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <iostream>

#include "devo/cli.h"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return devo::cli::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
