#ifndef FRECHET_FRECHET_HPP
#define FRECHET_FRECHET_HPP

// Umbrella header.

#include "frechet/bench.hpp"
#include "frechet/certificate.hpp"
#include "frechet/certify.hpp"
#include "frechet/complete_decider.hpp"
#include "frechet/curve.hpp"
#include "frechet/decider.hpp"
#include "frechet/filters.hpp"
#include "frechet/freespace.hpp"
#include "frechet/geometry.hpp"
#include "frechet/query.hpp"

#endif
