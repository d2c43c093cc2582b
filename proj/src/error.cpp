#include "framemult/error.hpp"

namespace framemult {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dim_too_large: return "DimTooLarge";
    case ErrorCode::no_convergence: return "NoConvergence";
    case ErrorCode::not_contraction: return "NotContraction";
    case ErrorCode::not_a_frame: return "NotAFrame";
    case ErrorCode::not_riesz: return "NotRiesz";
    case ErrorCode::dim_mismatch: return "DimMismatch";
    case ErrorCode::count_mismatch: return "CountMismatch";
    case ErrorCode::empty_after_prune: return "EmptyAfterPrune";
    case ErrorCode::unbounded_symbol: return "UnboundedSymbol";
    case ErrorCode::symbol_not_signed: return "SymbolNotSigned";
    case ErrorCode::lambda_too_large: return "LambdaTooLarge";
    case ErrorCode::perturbation_too_large: return "PerturbationTooLarge";
    case ErrorCode::symbol_ratio_too_large: return "SymbolRatioTooLarge";
    case ErrorCode::mu_too_large: return "MuTooLarge";
    case ErrorCode::not_riesz_weighted: return "NotRieszWeighted";
    case ErrorCode::not_equivalent: return "NotEquivalent";
    case ErrorCode::not_dual: return "NotDual";
    case ErrorCode::unknown_fixture: return "UnknownFixture";
    case ErrorCode::param_out_of_range: return "ParamOutOfRange";
    case ErrorCode::schema: return "SchemaError";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace framemult
