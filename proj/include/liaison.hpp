#pragma once

#include "liaison/scalars.hpp"
#include "liaison/poly.hpp"
#include "liaison/ideal.hpp"
#include "liaison/gradedmod.hpp"
#include "liaison/curve.hpp"
#include "liaison/linkage.hpp"
#include "liaison/raoclass.hpp"
#include "liaison/chain.hpp"
#include "liaison/io.hpp"
