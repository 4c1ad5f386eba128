#pragma once

#include "fqam/bits.hpp"
#include "fqam/cgg.hpp"
#include "fqam/constellation.hpp"
#include "fqam/fft.hpp"
#include "fqam/harness.hpp"
#include "fqam/network.hpp"
#include "fqam/ofdm.hpp"
#include "fqam/rng.hpp"
#include "fqam/stats.hpp"
#include "fqam/stochgeo.hpp"
#include "fqam/turbo.hpp"
