#pragma once

#include "unruh_qfi/detectors.hpp"
#include "unruh_qfi/eigh.hpp"
#include "unruh_qfi/errors.hpp"
#include "unruh_qfi/estimation.hpp"
#include "unruh_qfi/finite_difference.hpp"
#include "unruh_qfi/golden_section.hpp"
#include "unruh_qfi/hawking.hpp"
#include "unruh_qfi/io.hpp"
#include "unruh_qfi/matrix.hpp"
#include "unruh_qfi/qfi.hpp"
#include "unruh_qfi/rng.hpp"
#include "unruh_qfi/sweep.hpp"
#include "unruh_qfi/validation.hpp"
#include "unruh_qfi/version.hpp"
