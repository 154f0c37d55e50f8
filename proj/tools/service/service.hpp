#pragma once

#include <lexdialog/session.hpp>

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace httplib
{
class Server;
}

namespace lexdialog::service
{

struct response
{
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

struct service_options
{
    engine_options engine;
    std::chrono::seconds ttl{ 1800 };
    bool allow_file_access = false;
};

// Reads LEXDIALOG_BUDGET, LEXDIALOG_SESSION_TTL_SECS and LEXDIALOG_ALLOW_FILES.
service_options options_from_environment();

// HTTP status for an error reply code.
int status_for( const std::string& code );

class session_service
{
    struct slot
    {
        std::mutex lock;
        std::stop_source stop;
        session state;
        std::chrono::steady_clock::time_point last_used;
    };

    service_options _opts;
    std::mutex _table_lock;
    std::map< std::string, std::shared_ptr< slot > > _sessions;
    std::size_t _created = 0;

    std::shared_ptr< slot > find( const std::string& id );
    void evict_expired();
    response create();
    response remove( const std::string& id );
    response command( const std::string& id, const std::string& text );
    response transcript_of( const std::string& id );

public:
    explicit session_service( service_options opts = {} ) : _opts{ std::move( opts ) } {}
    ~session_service();

    // Transport-independent entry point; the HTTP server only forwards to it.
    response handle( const std::string& method, const std::string& path, const std::string& body );

    [[nodiscard]] std::size_t session_count();

    void mount( httplib::Server& server );
};

} // namespace lexdialog::service
