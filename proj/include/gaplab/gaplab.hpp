#pragma once

// Everything except the command-line layer (gaplab/commands.hpp), which
// pulls in CLI11 and OpenSSL.

#include "gaplab/arcs.hpp"
#include "gaplab/config.hpp"
#include "gaplab/error.hpp"
#include "gaplab/gaplabel.hpp"
#include "gaplab/operator.hpp"
#include "gaplab/parallel.hpp"
#include "gaplab/rational.hpp"
#include "gaplab/scheme.hpp"
#include "gaplab/spectrum.hpp"
#include "gaplab/system.hpp"
#include "gaplab/transversal.hpp"
