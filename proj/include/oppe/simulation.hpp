#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "oppe/estimation.hpp"

namespace oppe {

struct StudyCell {
    int table = 0;  // 2 uniform, 3 exponential, 4 pareto, 5 burrxii; 0 for ad-hoc cells
    int panel = 1;
    ModelTemplate model;
    std::vector<double> truth;  // full Φ, same order as parameter_names(model)
    std::size_t n = 20;
    std::size_t replicates = 1000;
    std::uint64_t seed = 1;
    FitConfig fit;
};

struct ParameterSummary {
    std::string name;
    double truth;
    double bias;
    double mse;
};

struct StudyReport {
    int table;
    int panel;
    std::size_t n;
    std::size_t replicates;  // requested
    std::size_t used;        // replicates that entered bias and MSE
    std::size_t retries;     // replicates refit from a fresh sample
    std::size_t failures;    // replicates excluded after the retry also failed
    std::vector<ParameterSummary> parameters;
};

/// Fit configuration used by the study tables: start at the truth plus two
/// scattered starts.
FitConfig study_fit_config();

/// Replicate i draws its sample from derive_seed(cell.seed, i, attempt).
/// A replicate whose fit fails or does not converge is redrawn once; if that
/// also fails it is excluded and counted. Sums run in replicate order with
/// compensation, so the report does not depend on `threads`.
StudyReport run_cell(const StudyCell& cell, unsigned threads = 1);

/// The cells of one built-in study table (2, 3, 4 or 5): every parameter row at
/// n = 20, 40, 100. Cell seeds derive from `seed`. DomainError otherwise.
std::vector<StudyCell> table_cells(int table, std::uint64_t seed, std::size_t replicates = 1000);

std::vector<StudyReport> run_table(int table, std::uint64_t seed, std::size_t replicates = 1000,
                                   unsigned threads = 1);

/// Columns: table,panel,n,param,true,bias,mse,failures (one row per parameter).
void write_csv(std::ostream& out, const std::vector<StudyReport>& reports);

}  // namespace oppe
