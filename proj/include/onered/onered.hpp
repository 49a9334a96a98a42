#pragma once

#include "onered/exact_quad.hpp"
#include "onered/ideal_model.hpp"
#include "onered/lattice.hpp"
#include "onered/classifier.hpp"
#include "onered/regions.hpp"
#include "onered/reducer.hpp"
