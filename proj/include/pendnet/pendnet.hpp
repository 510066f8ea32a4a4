#ifndef PENDNET_PENDNET_HPP
#define PENDNET_PENDNET_HPP

#include "pendnet/analysis.hpp"
#include "pendnet/connectivity.hpp"
#include "pendnet/graph.hpp"
#include "pendnet/integrator.hpp"
#include "pendnet/io.hpp"
#include "pendnet/linalg.hpp"
#include "pendnet/lyapunov.hpp"
#include "pendnet/odeint.hpp"
#include "pendnet/partition.hpp"
#include "pendnet/potential.hpp"
#include "pendnet/reduced.hpp"
#include "pendnet/system.hpp"

#endif
