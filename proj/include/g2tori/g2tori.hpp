#pragma once

#include "g2tori/arith.hpp"
#include "g2tori/cd.hpp"
#include "g2tori/classify.hpp"
#include "g2tori/errors.hpp"
#include "g2tori/etale.hpp"
#include "g2tori/g2.hpp"
#include "g2tori/hermitian.hpp"
#include "g2tori/linalg.hpp"
#include "g2tori/poly.hpp"
#include "g2tori/quadform.hpp"
#include "g2tori/torus.hpp"
