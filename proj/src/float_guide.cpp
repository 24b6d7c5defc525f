#include "float_guide.hpp"

#include "Highs.h"

namespace circres::lp::detail {

FloatGuide float_guide(int num_columns, const std::vector<FloatRow>& rows, const std::vector<double>& rhs) {
    HighsLp model;
    model.num_col_ = num_columns;
    model.num_row_ = static_cast<HighsInt>(rows.size());
    model.col_cost_.assign(static_cast<std::size_t>(num_columns), 0.0);
    model.col_lower_.assign(static_cast<std::size_t>(num_columns), 0.0);
    model.col_upper_.assign(static_cast<std::size_t>(num_columns), kHighsInf);
    model.row_lower_ = rhs;
    model.row_upper_.assign(rows.size(), kHighsInf);
    model.a_matrix_.format_ = MatrixFormat::kRowwise;
    model.a_matrix_.num_col_ = model.num_col_;
    model.a_matrix_.num_row_ = model.num_row_;
    model.a_matrix_.start_.assign(1, 0);
    for (const FloatRow& row : rows) {
        for (const auto& [j, v] : row) {
            model.a_matrix_.index_.push_back(j);
            model.a_matrix_.value_.push_back(v);
        }
        model.a_matrix_.start_.push_back(static_cast<HighsInt>(model.a_matrix_.index_.size()));
    }

    FloatGuide guide;
    Highs highs;
    highs.setOptionValue("output_flag", false);
    highs.setOptionValue("solver", "simplex");
    highs.setOptionValue("threads", 1);
    if (highs.passModel(std::move(model)) != HighsStatus::kOk) return guide;
    if (highs.run() == HighsStatus::kError) return guide;
    guide.iterations = static_cast<std::size_t>(highs.getInfo().simplex_iteration_count);

    const HighsModelStatus status = highs.getModelStatus();
    if (status == HighsModelStatus::kOptimal) {
        guide.completed = true;
        guide.feasible = true;
        guide.x = highs.getSolution().col_value;
        const HighsBasis& basis = highs.getBasis();
        if (basis.valid) {
            for (HighsBasisStatus st : basis.col_status) guide.basic_column.push_back(st == HighsBasisStatus::kBasic);
            for (HighsBasisStatus st : basis.row_status) guide.basic_row.push_back(st == HighsBasisStatus::kBasic);
        }
    } else if (status == HighsModelStatus::kInfeasible) {
        guide.completed = true;
        std::vector<double> ray(rows.size());
        bool has_ray = false;
        if (highs.getDualRay(has_ray, ray.data()) == HighsStatus::kOk && has_ray) guide.ray = std::move(ray);
    }
    return guide;
}

}  // namespace circres::lp::detail
