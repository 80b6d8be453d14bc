#pragma once

#include "backflow/contwave.hpp"
#include "backflow/error.hpp"
#include "backflow/oracle.hpp"
#include "backflow/padegen.hpp"
#include "backflow/polyring.hpp"
#include "backflow/rational.hpp"
#include "backflow/ringwave.hpp"
