uint32_t salt = get_salt();

sprintf(params[0].memref.buffer, "%u-%u", slot, salt);
