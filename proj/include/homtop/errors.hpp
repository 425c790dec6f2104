#pragma once

#include <stdexcept>
#include <string>

namespace homtop {

// Malformed external input. `where` is a 1-based line number for text
// formats and a 0-based byte offset for graph6.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, long where)
        : std::runtime_error(std::move(message)), where_(where) {}
    long where() const { return where_; }

private:
    long where_;
};

// A configured size guard or work budget was exhausted. Results derived
// after catching this are incomplete, never wrong.
class BudgetError : public std::runtime_error {
public:
    BudgetError(std::string budget_name, std::string message)
        : std::runtime_error(std::move(message)), budget_(std::move(budget_name)) {}
    const std::string& budget() const { return budget_; }

private:
    std::string budget_;
};

}
