#pragma once

#include "adel/ast.hpp"
#include "adel/attention.hpp"
#include "adel/battery.hpp"
#include "adel/dot.hpp"
#include "adel/equivalence.hpp"
#include "adel/lang.hpp"
#include "adel/model.hpp"
#include "adel/random.hpp"
#include "adel/sat.hpp"
#include "adel/semantics.hpp"
#include "adel/syntax.hpp"
#include "adel/transform.hpp"
#include "adel/workspace.hpp"
