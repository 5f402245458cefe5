uint32_t a = 0;
uint32_t b = 0;

TEE_GetObjectValueAttribute(key_obj, TEE_ATTR_SECRET_VALUE, &a, &b);
params[2].value.b = b;
