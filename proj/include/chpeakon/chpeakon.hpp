#pragma once

#include "chpeakon/complex.hpp"
#include "chpeakon/determinant.hpp"
#include "chpeakon/errors.hpp"
#include "chpeakon/evolution.hpp"
#include "chpeakon/forward_spectral.hpp"
#include "chpeakon/inverse_spectral.hpp"
#include "chpeakon/ode_oracle.hpp"
#include "chpeakon/polynomial.hpp"
#include "chpeakon/real.hpp"
#include "chpeakon/root_refine.hpp"
#include "chpeakon/solution_eval.hpp"
#include "chpeakon/two_peakon.hpp"
#include "chpeakon/types.hpp"
