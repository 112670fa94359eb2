// Umbrella header.
#pragma once

#include "qcorr/alignment.hpp"
#include "qcorr/demon.hpp"
#include "qcorr/density.hpp"
#include "qcorr/entanglement.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/geometry.hpp"
#include "qcorr/matrix.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/property_checks.hpp"
#include "qcorr/random.hpp"
#include "qcorr/scan.hpp"
#include "qcorr/states.hpp"
