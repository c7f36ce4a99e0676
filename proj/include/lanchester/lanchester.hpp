#pragma once

#include "lanchester/model.hpp"
#include "lanchester/closed_form.hpp"
#include "lanchester/integrator.hpp"
#include "lanchester/classifier.hpp"
#include "lanchester/corridor.hpp"
#include "lanchester/premium.hpp"
