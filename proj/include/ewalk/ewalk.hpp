#pragma once

#include "ewalk/coin.hpp"
#include "ewalk/complex.hpp"
#include "ewalk/diophantine.hpp"
#include "ewalk/errors.hpp"
#include "ewalk/field.hpp"
#include "ewalk/hierarchical.hpp"
#include "ewalk/localization.hpp"
#include "ewalk/precision.hpp"
#include "ewalk/spectral.hpp"
#include "ewalk/walk_state.hpp"
#include "ewalk/walkcore.hpp"
