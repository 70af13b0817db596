#pragma once

#include "errors.hpp"
#include "polymat.hpp"
#include "sylvester.hpp"
#include "random.hpp"
#include "minimal.hpp"
#include "fullsyl.hpp"
#include "robust.hpp"
#include "dual.hpp"
#include "lify.hpp"
#include "oracle.hpp"
#include "io.hpp"
#include "report.hpp"
