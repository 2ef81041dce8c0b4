#ifndef DIRCOUL_DIRCOUL_HPP
#define DIRCOUL_DIRCOUL_HPP

#include "dircoul/cases.hpp"
#include "dircoul/model.hpp"
#include "dircoul/oracle.hpp"
#include "dircoul/specfun.hpp"
#include "dircoul/spectrum.hpp"
#include "dircoul/wavefunction.hpp"

#endif // DIRCOUL_DIRCOUL_HPP
