#pragma once

#include "tenspec/bounds.hpp"
#include "tenspec/digraph.hpp"
#include "tenspec/errors.hpp"
#include "tenspec/inclusion.hpp"
#include "tenspec/io.hpp"
#include "tenspec/oracle.hpp"
#include "tenspec/polynomial.hpp"
#include "tenspec/product.hpp"
#include "tenspec/scalar.hpp"
#include "tenspec/svg.hpp"
#include "tenspec/tensor.hpp"
