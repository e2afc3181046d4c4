#pragma once

#include "secform/classify.hpp"
#include "secform/error.hpp"
#include "secform/forms.hpp"
#include "secform/group.hpp"
#include "secform/homotopy.hpp"
#include "secform/polynomial_action.hpp"
#include "secform/qz.hpp"
#include "secform/serialize.hpp"
#include "secform/steenrod.hpp"
