#pragma once

#include "oneconn/check.hpp"
#include "oneconn/checked_int.hpp"
#include "oneconn/config.hpp"
#include "oneconn/connectivity.hpp"
#include "oneconn/errors.hpp"
#include "oneconn/generators.hpp"
#include "oneconn/intersection.hpp"
#include "oneconn/json_io.hpp"
#include "oneconn/lattice_box.hpp"
#include "oneconn/report_text.hpp"
#include "oneconn/structure.hpp"
#include "oneconn/suites.hpp"
