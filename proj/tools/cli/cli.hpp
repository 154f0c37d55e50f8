#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lexdialog::cli
{

// Exit codes: 0 executed, 1 usage/parse/data error, 2 negative verdict under
// --strict, 3 resource limit.
int run( const std::vector< std::string >& args, std::istream& in, std::ostream& out, std::ostream& err );

} // namespace lexdialog::cli
