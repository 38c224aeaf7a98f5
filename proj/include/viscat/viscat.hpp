#pragma once

#include "viscat/analysis.hpp"
#include "viscat/diagram.hpp"
#include "viscat/dsl.hpp"
#include "viscat/error.hpp"
#include "viscat/finset.hpp"
#include "viscat/process.hpp"
#include "viscat/report.hpp"
