#include "qp/serialize.hpp"

#include <sstream>

namespace qp {

std::string json_of_mpoly(const MPoly& p)
{
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (auto& [e, c] : p.terms()) {
        if (!first)
            os << ",";
        first = false;
        os << "[[";
        for (size_t i = 0; i < e.size(); ++i)
            os << (i ? "," : "") << e[i];
        os << "],\"" << to_string(c) << "\"]";
    }
    os << "]";
    return os.str();
}

std::string json_of_ratfn(const RatFn& r)
{
    return "{\"num\":" + json_of_mpoly(r.num()) + ",\"den\":" + json_of_mpoly(r.den()) + "}";
}

std::string json_of_elem(const AlgebraSpec& A, const StarElem<RatFn>& e)
{
    std::ostringstream os;
    os << "{\"algebra\":\"" << A.name << "\",\"l\":" << A.l << ",\"order\":" << A.order()
       << ",\"symbols\":[";
    for (int i = 0; i < A.symbols.size(); ++i)
        os << (i ? "," : "") << "\"" << A.symbols.name(i) << "\"";
    os << "],\"coeffs\":[";
    for (size_t k = 0; k < e.c.size(); ++k)
        os << (k ? "," : "") << json_of_ratfn(e.c[k]);
    os << "]}";
    return os.str();
}

std::string json_of_algebra(const AlgebraSpec& A)
{
    std::ostringstream os;
    os << "{\"name\":\"" << A.name << "\",\"l\":" << A.l << ",\"order\":" << A.order()
       << ",\"symbols\":[";
    for (int i = 0; i < A.symbols.size(); ++i)
        os << (i ? "," : "") << "\"" << A.symbols.name(i) << "\"";
    os << "],\"coordinates\":[";
    for (size_t i = 0; i < A.coordinate_names.size(); ++i)
        os << (i ? "," : "") << "\"" << A.coordinate_names[i] << "\"";
    os << "],\"pairing\":[";
    for (size_t i = 0; i < A.model.theta.size(); ++i) {
        os << (i ? "," : "") << "[";
        for (size_t j = 0; j < A.model.theta[i].size(); ++j)
            os << (j ? "," : "") << "\"" << to_string(A.model.theta[i][j]) << "\"";
        os << "]";
    }
    os << "],\"derived\":{";
    bool first = true;
    for (auto& [name, def] : A.gens) {
        if (!first)
            os << ",";
        first = false;
        os << "\"" << name << "\":\"" << to_string(def) << "\"";
    }
    os << "}}";
    return os.str();
}

} // namespace qp
