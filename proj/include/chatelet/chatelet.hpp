#pragma once

#include "chatelet/errors.hpp"
#include "chatelet/arith.hpp"
#include "chatelet/forms.hpp"
#include "chatelet/quadfield.hpp"
#include "chatelet/multiquad.hpp"
#include "chatelet/picard.hpp"
#include "chatelet/points.hpp"
#include "chatelet/torsor.hpp"
#include "chatelet/counting.hpp"
