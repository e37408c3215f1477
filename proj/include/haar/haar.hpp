#pragma once

#include "haar/cli/commands.hpp"
#include "haar/errors.hpp"
#include "haar/exactreal/certified.hpp"
#include "haar/exactreal/dyadic.hpp"
#include "haar/exactreal/elementary.hpp"
#include "haar/exactreal/float_interval.hpp"
#include "haar/exactreal/interval.hpp"
#include "haar/exactreal/pi.hpp"
#include "haar/exactreal/refine.hpp"
#include "haar/functions/builtins.hpp"
#include "haar/generic/integral.hpp"
#include "haar/generic/located_set.hpp"
#include "haar/generic/measure.hpp"
#include "haar/generic/partition.hpp"
#include "haar/group/biinvariant.hpp"
#include "haar/group/element.hpp"
#include "haar/group/group.hpp"
#include "haar/group/instances.hpp"
#include "haar/group/quaternion.hpp"
#include "haar/group/so3.hpp"
#include "haar/packing/packing.hpp"
#include "haar/quadrature/circle.hpp"
#include "haar/quadrature/derived.hpp"
#include "haar/quadrature/integrand.hpp"
#include "haar/quadrature/lift.hpp"
#include "haar/quadrature/psi.hpp"
#include "haar/quadrature/su2.hpp"
#include "haar/quadrature/transform.hpp"
