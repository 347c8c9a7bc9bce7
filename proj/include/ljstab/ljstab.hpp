#pragma once

// Umbrella header.

#include "ljstab/certificate.hpp"
#include "ljstab/certify.hpp"
#include "ljstab/cluster.hpp"
#include "ljstab/constants.hpp"
#include "ljstab/geometry.hpp"
#include "ljstab/integrals.hpp"
#include "ljstab/interval.hpp"
#include "ljstab/number_field.hpp"
#include "ljstab/polynomial.hpp"
#include "ljstab/profiles.hpp"
#include "ljstab/rational.hpp"
#include "ljstab/verifier.hpp"
