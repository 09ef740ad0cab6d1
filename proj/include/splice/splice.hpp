#pragma once

#include "automata.hpp"
#include "cfg.hpp"
#include "closure.hpp"
#include "decider.hpp"
#include "generalized.hpp"
#include "io.hpp"
#include "production.hpp"
#include "regex.hpp"
#include "rule.hpp"
#include "synthesis.hpp"
#include "system.hpp"
#include "transform.hpp"
#include "word.hpp"
