#pragma once

#include "analytics.hpp"
#include "bit_matrix.hpp"
#include "codec.hpp"
#include "datagen.hpp"
#include "error.hpp"
#include "harness.hpp"
#include "huffman.hpp"
#include "network.hpp"
#include "rng.hpp"
#include "topology.hpp"
