#pragma once

#include "mdsg/rational.hpp"
#include "mdsg/cyclotomic.hpp"
#include "mdsg/errors.hpp"
#include "mdsg/group.hpp"
#include "mdsg/metrics.hpp"
#include "mdsg/chartheory.hpp"
#include "mdsg/mds_dense.hpp"
#include "mdsg/mds_spectral.hpp"
#include "mdsg/rankings.hpp"
#include "mdsg/io.hpp"
