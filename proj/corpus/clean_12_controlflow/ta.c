char buf[64];
uint32_t len = params[2].memref.size;

if (len > sizeof(buf))
    return TEE_ERROR_SHORT_BUFFER;
TEE_MemMove(buf, params[2].memref.buffer, len);
