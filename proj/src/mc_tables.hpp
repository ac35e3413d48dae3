// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace isoclean::mc {

// Bit i of kEdgeTable[config] marks edge i as crossed. kTriTable rows list
// edge indices three per triangle, -1 terminated.
extern const std::uint16_t kEdgeTable[256];
extern const std::int8_t kTriTable[256][16];

}  // namespace isoclean::mc
