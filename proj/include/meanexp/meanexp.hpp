#pragma once

#include "errors.hpp"
#include "arith.hpp"
#include "fields.hpp"
#include "groups.hpp"
#include "towers.hpp"
#include "tv.hpp"
#include "propgroups.hpp"
#include "oracle.hpp"
#include "scenario.hpp"
