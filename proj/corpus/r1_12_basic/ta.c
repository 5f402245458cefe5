#include <string.h>
#include <tee_internal_api.h>

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_VALUE_OUTPUT);

    if (param_types != exp)
        return TEE_ERROR_BAD_PARAMETERS;
    uint32_t a = 0;
    uint32_t b = 0;

    TEE_GetObjectValueAttribute(key_obj, TEE_ATTR_SECRET_VALUE, &a, &b);
    params[3].value.b = b;
    return TEE_SUCCESS;
}
