#pragma once
#include "thickgeo/brute_force.hpp"
#include "thickgeo/bush.hpp"
#include "thickgeo/construction.hpp"
#include "thickgeo/family.hpp"
#include "thickgeo/gauge.hpp"
#include "thickgeo/normed_space.hpp"
#include "thickgeo/witness.hpp"
