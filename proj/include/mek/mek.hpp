#pragma once

// Interpreter library. The HTTP service lives in mek/service.hpp and is
// included separately because it pulls in the HTTP server.

#include "mek/bench.hpp"
#include "mek/color.hpp"
#include "mek/command.hpp"
#include "mek/corpus.hpp"
#include "mek/engine.hpp"
#include "mek/geometry.hpp"
#include "mek/grid.hpp"
#include "mek/oracles.hpp"
#include "mek/persistence.hpp"
#include "mek/script.hpp"
#include "mek/wire.hpp"
