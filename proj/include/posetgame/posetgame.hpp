#pragma once

#include "posetgame/canonical.hpp"
#include "posetgame/compression.hpp"
#include "posetgame/conjecture.hpp"
#include "posetgame/enumerate.hpp"
#include "posetgame/error.hpp"
#include "posetgame/fixtures.hpp"
#include "posetgame/generators.hpp"
#include "posetgame/grundy.hpp"
#include "posetgame/mex.hpp"
#include "posetgame/naive.hpp"
#include "posetgame/poset.hpp"
#include "posetgame/position.hpp"
#include "posetgame/text_format.hpp"
