#pragma once

#include "displace/error.hpp"
#include "displace/scoring.hpp"
#include "displace/election.hpp"
#include "displace/demand.hpp"
#include "displace/oracle.hpp"
#include "displace/envelope.hpp"
#include "displace/ballots.hpp"
#include "displace/reference.hpp"
#include "displace/data.hpp"
#include "displace/baselines.hpp"
#include "displace/rules.hpp"
#include "displace/parallel.hpp"
