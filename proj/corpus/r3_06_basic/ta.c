uint8_t buf[32];

TEE_MemMove(buf, params[2].memref.buffer, sizeof(buf));
