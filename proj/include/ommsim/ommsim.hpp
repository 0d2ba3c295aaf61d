#pragma once

#include "ommsim/assembly.hpp"
#include "ommsim/config.hpp"
#include "ommsim/constants.hpp"
#include "ommsim/entanglement.hpp"
#include "ommsim/errors.hpp"
#include "ommsim/linalg.hpp"
#include "ommsim/params.hpp"
#include "ommsim/report.hpp"
#include "ommsim/sweep.hpp"
#include "ommsim/version.hpp"
