#pragma once

// Umbrella header.

#include "fincat/chains.hpp"
#include "fincat/commands.hpp"
#include "fincat/congruence.hpp"
#include "fincat/core.hpp"
#include "fincat/fixtures.hpp"
#include "fincat/fractions.hpp"
#include "fincat/functors.hpp"
#include "fincat/text_format.hpp"
#include "fincat/zigzag.hpp"
