#pragma once

#include "fmacomp/errors.hpp"
#include "fmacomp/fp_core.hpp"
#include "fmacomp/dyadic.hpp"
#include "fmacomp/oracle.hpp"
#include "fmacomp/rsqrt.hpp"
#include "fmacomp/fast_rsqrt.hpp"
#include "fmacomp/rhypot.hpp"
#include "fmacomp/givens.hpp"
#include "fmacomp/sampling.hpp"
#include "fmacomp/trial.hpp"
#include "fmacomp/report.hpp"
#include "fmacomp/inspect.hpp"
