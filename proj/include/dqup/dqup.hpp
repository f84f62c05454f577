#pragma once

// Umbrella header.

#include "band.hpp"
#include "dqft.hpp"
#include "errors.hpp"
#include "golden.hpp"
#include "image.hpp"
#include "image_experiment.hpp"
#include "linalg.hpp"
#include "metrics.hpp"
#include "qsignal.hpp"
#include "quaternion.hpp"
#include "random.hpp"
#include "recovery.hpp"
#include "serialize.hpp"
#include "uncertainty.hpp"
