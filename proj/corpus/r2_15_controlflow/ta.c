char msg[64];

if (ready) {
    TEE_MemMove(msg, params[0].memref.buffer, params[0].memref.size);
}
