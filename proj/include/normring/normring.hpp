#pragma once

#include "normring/integers.hpp"
#include "normring/intmat.hpp"
#include "normring/lattice.hpp"
#include "normring/fppoly.hpp"
#include "normring/field.hpp"
#include "normring/order.hpp"
#include "normring/ideal.hpp"
#include "normring/fp_algebra.hpp"
#include "normring/local.hpp"
#include "normring/normalize.hpp"
#include "normring/audit.hpp"
#include "normring/io.hpp"
#include "normring/reproduce.hpp"
