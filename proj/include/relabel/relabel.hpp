#pragma once

#include "relabel/ancora.hpp"
#include "relabel/conllu.hpp"
#include "relabel/convert.hpp"
#include "relabel/error.hpp"
#include "relabel/fgd.hpp"
#include "relabel/graph.hpp"
#include "relabel/mapping.hpp"
#include "relabel/report.hpp"
#include "relabel/stats.hpp"
#include "relabel/taxonomy.hpp"
