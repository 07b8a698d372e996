#pragma once

#include "automaton.hpp"
#include "ball.hpp"
#include "coxeter.hpp"
#include "io.hpp"
#include "root_automata.hpp"
#include "scalar.hpp"
#include "shadow.hpp"
#include "verification.hpp"
#include "voracious.hpp"
#include "weak_order.hpp"
#include "word.hpp"
