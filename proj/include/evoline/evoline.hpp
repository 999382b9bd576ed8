#pragma once

#include "evoline/error.hpp"
#include "evoline/scalar.hpp"
#include "evoline/linalg.hpp"
#include "evoline/algebra.hpp"
#include "evoline/digraph.hpp"
#include "evoline/structure.hpp"
#include "evoline/automorphism.hpp"
#include "evoline/document.hpp"
#include "evoline/report.hpp"
