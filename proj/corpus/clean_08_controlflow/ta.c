if(params[1].memref.size > size) {
    memcpy(params[1].memref.buffer, buf, size);
}
