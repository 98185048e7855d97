#include "qtri/oracle.hpp"

#include <stdexcept>

namespace qtri {

void CostLedger::charge(std::string label, double amount) {
    if (amount < 0) throw std::invalid_argument("ledger charge must be nonnegative");
    total_ += amount;
    entries_.push_back({std::move(label), amount});
}

void CostLedger::clear() {
    entries_.clear();
    total_ = 0.0;
}

const Graph& OracleSession::graph() const {
    if (!graph_) throw std::logic_error("session has no graph oracle");
    return *graph_;
}

bool query_edge(OracleSession& session, int a, int b) {
    const bool result = session.graph().adjacent(a, b);  // validates the pair
    session.count_exact_query();
    return result;
}

}  // namespace qtri
