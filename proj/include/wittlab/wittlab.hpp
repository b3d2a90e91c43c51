#pragma once

// Library umbrella; the CLI front-end lives in wittlab/cli.hpp.
#include "wittlab/covers.hpp"
#include "wittlab/detector.hpp"
#include "wittlab/hilbert.hpp"
#include "wittlab/milnor.hpp"
#include "wittlab/pbasis.hpp"
#include "wittlab/pfister.hpp"
#include "wittlab/quadform.hpp"
