#pragma once

#include "turnpike/certify.hpp"
#include "turnpike/control.hpp"
#include "turnpike/datum.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/explicit.hpp"
#include "turnpike/grid.hpp"
#include "turnpike/io.hpp"
#include "turnpike/modal.hpp"
#include "turnpike/oracle.hpp"
#include "turnpike/wavecore.hpp"
