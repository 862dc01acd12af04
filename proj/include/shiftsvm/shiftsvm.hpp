#pragma once

#include "shiftsvm/cross_validation.hpp"
#include "shiftsvm/dataio.hpp"
#include "shiftsvm/experiment.hpp"
#include "shiftsvm/label_shift.hpp"
#include "shiftsvm/linear_svm.hpp"
#include "shiftsvm/matrix.hpp"
#include "shiftsvm/metrics.hpp"
#include "shiftsvm/results_io.hpp"
#include "shiftsvm/seeding.hpp"
#include "shiftsvm/smote.hpp"
#include "shiftsvm/wilcoxon.hpp"
