#include <string.h>
#include <tee_internal_api.h>

static TEE_Result scan_request(TEE_Param p[4])
{
    return scan_bytes(p[1].memref.buffer, 128);
}

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    return scan_request(params);
    return TEE_SUCCESS;
}
