// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "convexify/cli.hpp"

int main(int argc, char** argv) { return convexify::cli::run(argc, argv, std::cout, std::cerr); }
