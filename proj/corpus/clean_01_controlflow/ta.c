char buf[] = "aabbcc";

params[0].memref.size = strlen(buf);
