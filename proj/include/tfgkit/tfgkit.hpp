#pragma once

#include "tfgkit/conc.hpp"
#include "tfgkit/equation.hpp"
#include "tfgkit/error.hpp"
#include "tfgkit/matrix.hpp"
#include "tfgkit/net_io.hpp"
#include "tfgkit/oracle.hpp"
#include "tfgkit/petri.hpp"
#include "tfgkit/reach.hpp"
#include "tfgkit/reductions.hpp"
#include "tfgkit/tfg.hpp"
#include "tfgkit/validation.hpp"
