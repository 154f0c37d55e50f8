#include "service.hpp"

#include <httplib.h>

#include <cstdlib>
#include <iostream>

int main()
{
    std::string addr = "127.0.0.1:8080";
    if ( const char* a = std::getenv( "LEXDIALOG_ADDR" ); a && *a )
        addr = a;
    auto colon = addr.rfind( ':' );
    if ( colon == std::string::npos )
    {
        std::cerr << "LEXDIALOG_ADDR must be HOST:PORT\n";
        return 1;
    }
    std::string host = addr.substr( 0, colon );
    int port = std::atoi( addr.c_str() + colon + 1 );

    lexdialog::service::session_service svc{ lexdialog::service::options_from_environment() };
    httplib::Server server;
    svc.mount( server );
    std::cerr << "lexdialogd listening on " << host << ":" << port << "\n";
    if ( !server.listen( host, port ) )
    {
        std::cerr << "cannot listen on " << addr << "\n";
        return 1;
    }
}
