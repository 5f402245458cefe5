#include <string.h>
#include <tee_internal_api.h>

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    if (TEE_MemCompare(params[0].memref.buffer, "from_CA_to_TA", 13) != 0)
        return TEE_ERROR_SECURITY;
    return TEE_SUCCESS;
}
