#ifndef FUZZY_KLASSEN_FUZZY_KLASSEN_HPP_
#define FUZZY_KLASSEN_FUZZY_KLASSEN_HPP_

#include "error.hpp"
#include "membership.hpp"
#include "variable.hpp"
#include "operators.hpp"
#include "rule_base.hpp"
#include "inference.hpp"
#include "dataset.hpp"
#include "klassen.hpp"
#include "pipeline.hpp"
#include "report.hpp"
#include "io.hpp"

#endif
