#pragma once

// Umbrella header for the whole library.

#include "analysis.hpp"
#include "bench.hpp"
#include "bit_state.hpp"
#include "bits.hpp"
#include "generator.hpp"
#include "image.hpp"
#include "isaac.hpp"
#include "seed_key.hpp"
#include "sources.hpp"
#include "stats.hpp"
#include "stream_io.hpp"
#include "version.hpp"
#include "watermark.hpp"
#include "xorshift.hpp"
