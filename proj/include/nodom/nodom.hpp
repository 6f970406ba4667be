#pragma once

#include "nodom/bound.hpp"
#include "nodom/configuration.hpp"
#include "nodom/critpoints.hpp"
#include "nodom/errors.hpp"
#include "nodom/geometry.hpp"
#include "nodom/philox.hpp"
#include "nodom/polyline.hpp"
#include "nodom/quaddiff.hpp"
#include "nodom/serialization.hpp"
#include "nodom/specfun.hpp"
#include "nodom/svg.hpp"
#include "nodom/wos.hpp"
