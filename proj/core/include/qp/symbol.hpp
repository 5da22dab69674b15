#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qp {

/// Registry of commuting scalar symbols. The registration order is fixed at
/// algebra construction and defines the monomial order, so canonical forms
/// are reproducible across runs.
class SymbolTable {
public:
    int add(const std::string& name)
    {
        auto [it, fresh] = index_.emplace(name, static_cast<int>(names_.size()));
        if (fresh)
            names_.push_back(name);
        return it->second;
    }

    int index(const std::string& name) const
    {
        auto it = index_.find(name);
        return it == index_.end() ? -1 : it->second;
    }

    int require(const std::string& name) const
    {
        int i = index(name);
        if (i < 0)
            throw std::out_of_range("unknown symbol: " + name);
        return i;
    }

    const std::string& name(int i) const { return names_.at(static_cast<size_t>(i)); }
    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

} // namespace qp
