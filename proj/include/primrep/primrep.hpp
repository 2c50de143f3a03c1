#pragma once

#include "primrep/arith.hpp"
#include "primrep/catalog.hpp"
#include "primrep/characters.hpp"
#include "primrep/eisenfit.hpp"
#include "primrep/int.hpp"
#include "primrep/repnums.hpp"
#include "primrep/scalar.hpp"
#include "primrep/sweep.hpp"
#include "primrep/twisted_sums.hpp"
