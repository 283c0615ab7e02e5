#pragma once

#include "hopfquiver/error.hpp"
#include "hopfquiver/scalars.hpp"
#include "hopfquiver/groups.hpp"
#include "hopfquiver/quiver.hpp"
#include "hopfquiver/bimodule.hpp"
#include "hopfquiver/hopfalg.hpp"
#include "hopfquiver/verify.hpp"
#include "hopfquiver/session.hpp"
